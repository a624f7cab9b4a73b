void showPair(int first, int second) {
    System.out.print(first);
    System.out.print(second);
}
