int Factorial(int n) {
    int result = 1;
    int k = n;
    while (k > 1) {
        result *= k;
        k -= 1;
    }
    return result;
}
