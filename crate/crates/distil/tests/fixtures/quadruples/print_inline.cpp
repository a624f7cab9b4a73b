void showPair(int first, int second) {
    cout << first;
    cout << second;
}
