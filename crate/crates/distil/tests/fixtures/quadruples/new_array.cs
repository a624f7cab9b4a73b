int SquaresTotal(int n) {
    int[] squares = new int[n];
    for (int i = 0; i < n; i++) {
        squares[i] = i * i;
    }
    int total = 0;
    foreach (int s in squares) {
        total += s;
    }
    return total;
}
