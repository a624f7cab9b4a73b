void ShowPair(int first, int second) {
    Console.Write(first);
    Console.Write(second);
}
