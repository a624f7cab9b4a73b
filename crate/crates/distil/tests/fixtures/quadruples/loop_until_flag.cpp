int firstMultiple(int step, int limit) {
    int value = step;
    bool found = false;
    while (true) {
        if (value % 7 == 0 || value > limit) {
            found = true;
            break;
        }
        value += step;
    }
    return found ? value : -1;
}
