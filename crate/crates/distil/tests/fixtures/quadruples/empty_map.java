HashMap<String, Integer> freshCounts(String key) {
    HashMap<String, Integer> counts = new HashMap<>();
    System.out.println(key.length());
    return counts;
}
