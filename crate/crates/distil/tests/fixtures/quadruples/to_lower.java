String lowered(String word) {
    String result = Character.toLowerCase(word);
    return result;
}
