string swapWord(string text, string from, string to) {
    return text.replace(from, to);
}
