int indexOf(int[] values, int n, int target) {
    int found = -1;
    for (int i = 0; i < n; i++) {
        if (values[i] == target) {
            found = i;
            break;
        }
    }
    return found;
}
