Queue<int> PendingWork(int jobs) {
    Queue<int> pending = new Queue<int>();
    int left = jobs;
    while (left > 0) {
        left -= 1;
    }
    return pending;
}
