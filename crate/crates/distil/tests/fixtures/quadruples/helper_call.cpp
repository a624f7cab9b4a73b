int doubleTwice(int x) {
    int once = twice(x);
    return twice(once);
}
