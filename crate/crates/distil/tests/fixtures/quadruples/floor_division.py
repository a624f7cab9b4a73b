def half_of(total: int, parts: int) -> int:
    half: int = total // parts
    return half
