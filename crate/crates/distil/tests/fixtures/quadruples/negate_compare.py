def not_less(a: int, b: int) -> bool:
    return not (a < b)
