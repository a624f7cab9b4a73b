def log_ratio(num: float, den: float) -> float:
    return math.log(num) - math.log(den)
