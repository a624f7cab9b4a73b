def show_pair(first: int, second: int) -> None:
    print(first, end='')
    print(second, end='')
