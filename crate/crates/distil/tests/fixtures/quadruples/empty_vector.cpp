vector<int> emptyBucket(int size) {
    vector<int> bucket;
    if (size > 0) {
        cout << size << endl;
    }
    return bucket;
}
