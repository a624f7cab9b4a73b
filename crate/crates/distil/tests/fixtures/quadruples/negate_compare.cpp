bool notLess(int a, int b) {
    return !(a < b);
}
