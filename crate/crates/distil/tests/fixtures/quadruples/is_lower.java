boolean startsLower(String word) {
    return Character.isLowerCase(word);
}
