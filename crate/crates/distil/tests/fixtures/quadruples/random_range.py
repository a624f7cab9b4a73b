def roll_die(low: int, high: int) -> int:
    roll: int = random.randint(low, high)
    return roll
