def index_of(values: list[int], n: int, target: int) -> int:
    found: int = -1
    for i in range(0, n):
        if values[i] == target:
            found = i
            break
    return found
