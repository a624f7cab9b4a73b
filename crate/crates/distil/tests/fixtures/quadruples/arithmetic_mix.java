int arithmeticMix(int a, int b, int c) {
    int d = a * b - c;
    int e = d / b + a % c;
    return d - e;
}
