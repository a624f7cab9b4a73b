def count_down(start: int) -> None:
    for i in range(start, 0, -1):
        print(i)
    print("done")
