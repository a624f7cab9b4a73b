def seen_none(hint: int) -> set:
    seen = set()
    unused: int = hint * 2
    return seen
