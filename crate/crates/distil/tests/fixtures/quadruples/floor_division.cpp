int halfOf(int total, int parts) {
    int half = int(total / parts);
    return half;
}
