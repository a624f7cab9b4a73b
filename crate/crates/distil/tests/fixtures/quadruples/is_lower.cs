bool StartsLower(string word) {
    return Char.IsLower(word);
}
