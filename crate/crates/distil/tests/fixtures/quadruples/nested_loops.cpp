int pairCount(int n) {
    int pairs = 0;
    for (int i = 0; i < n; i++) {
        for (int j = i + 1; j < n; j++) {
            if ((i + j) % 3 == 0) {
                pairs += 1;
            }
        }
    }
    return pairs;
}
