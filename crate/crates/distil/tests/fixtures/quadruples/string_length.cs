int TextLength(string text) {
    int size = text.Length;
    return size;
}
