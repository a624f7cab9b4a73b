int sumTo(int n) {
    int total = 0;
    for (int i = 1; i < n + 1; i++) {
        total += i;
    }
    return total;
}
