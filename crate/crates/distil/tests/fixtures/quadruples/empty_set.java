HashSet<Integer> seenNone(int hint) {
    HashSet<Integer> seen = new HashSet<>();
    int unused = hint * 2;
    return seen;
}
