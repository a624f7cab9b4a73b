Dictionary<string, int> FreshCounts(string key) {
    Dictionary<string, int> counts = new Dictionary<string, int>();
    Console.WriteLine(key.Length);
    return counts;
}
