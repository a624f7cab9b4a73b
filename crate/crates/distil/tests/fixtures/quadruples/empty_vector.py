def empty_bucket(size: int) -> list:
    bucket = []
    if size > 0:
        print(size)
    return bucket
