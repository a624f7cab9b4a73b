string Lowered(string word) {
    string result = Char.ToLower(word);
    return result;
}
