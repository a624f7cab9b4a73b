queue<int> pendingWork(int jobs) {
    queue<int> pending;
    int left = jobs;
    while (left > 0) {
        left -= 1;
    }
    return pending;
}
