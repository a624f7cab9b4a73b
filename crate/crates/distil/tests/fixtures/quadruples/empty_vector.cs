List<int> EmptyBucket(int size) {
    List<int> bucket = new List<int>();
    if (size > 0) {
        Console.WriteLine(size);
    }
    return bucket;
}
