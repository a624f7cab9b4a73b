def pending_work(jobs: int) -> queue.Queue:
    pending = queue.Queue()
    left: int = jobs
    while left > 0:
        left -= 1
    return pending
