bool startsLower(string word) {
    return islower(word);
}
