def hypotenuse(a: float, b: float) -> float:
    sum: float = a * a + b * b
    return math.sqrt(sum)
