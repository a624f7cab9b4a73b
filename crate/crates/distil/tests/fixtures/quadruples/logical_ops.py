def in_window(x: int, low: int, high: int, strict: bool) -> bool:
    return x >= low and x <= high or not strict
