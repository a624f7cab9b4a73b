int squaresTotal(int n) {
    int[] squares = new int[n];
    for (int i = 0; i < n; i++) {
        squares[i] = i * i;
    }
    int total = 0;
    for (int s : squares) {
        total += s;
    }
    return total;
}
