string lowered(string word) {
    string result = tolower(word);
    return result;
}
