int textLength(String text) {
    int size = text.length();
    return size;
}
