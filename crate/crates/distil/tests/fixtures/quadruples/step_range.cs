int EveryThird(int limit) {
    int count = 0;
    for (int i = 0; i < limit; i += 3) {
        count += 1;
    }
    return count;
}
