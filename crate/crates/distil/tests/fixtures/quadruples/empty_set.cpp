set<int> seenNone(int hint) {
    set<int> seen;
    int unused = hint * 2;
    return seen;
}
