int arraySum(int values[], int n) {
    int total = 0;
    for (int i = 0; i < n; i++) {
        total = total + values[i];
    }
    return total;
}
