int EvenSum(int n) {
    int total = 0;
    for (int i = 0; i < n; i++) {
        if (i % 2 == 1) {
            continue;
        }
        total += i;
    }
    return total;
}
