def sign_of(x: int) -> int:
    return 1 if x > 0 else -1 if x < 0 else 0
