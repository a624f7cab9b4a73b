def factorial(n: int) -> int:
    result: int = 1
    k: int = n
    while k > 1:
        result *= k
        k -= 1
    return result
