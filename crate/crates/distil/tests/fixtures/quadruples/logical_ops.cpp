bool inWindow(int x, int low, int high, bool strict) {
    return x >= low && x <= high || !strict;
}
