Queue<Integer> pendingWork(int jobs) {
    Queue<Integer> pending = new LinkedList<>();
    int left = jobs;
    while (left > 0) {
        left -= 1;
    }
    return pending;
}
