def greatest_common_divisor(a: int, b: int) -> int:
    while b != 0:
        t: int = b
        b = a % b
        a = t
    return a
