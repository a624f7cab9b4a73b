def lowered(word: str) -> str:
    result: str = word.tolower()
    return result
