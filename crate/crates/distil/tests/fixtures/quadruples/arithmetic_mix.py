def arithmetic_mix(a: int, b: int, c: int) -> int:
    d: int = a * b - c
    e: int = d / b + a % c
    return d - e
