int DoubleTwice(int x) {
    int once = Twice(x);
    return Twice(once);
}
