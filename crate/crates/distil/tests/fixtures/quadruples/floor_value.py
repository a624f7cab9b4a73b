def round_down(value: float, step: float) -> float:
    units: float = math.floor(value / step)
    return units * step
