def fresh_counts(key: str) -> dict:
    counts = {}
    print(len(key))
    return counts
