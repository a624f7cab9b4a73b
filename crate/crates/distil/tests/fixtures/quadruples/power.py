def cube_of(side: float) -> float:
    return side ** 3
