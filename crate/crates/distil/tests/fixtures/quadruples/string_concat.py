def greet(name: str, times: int) -> str:
    out: str = ""
    for i in range(0, times):
        out = out + "hello " + name
    return out
