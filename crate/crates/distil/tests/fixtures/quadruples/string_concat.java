String greet(String name, int times) {
    String out = "";
    for (int i = 0; i < times; i++) {
        out = out + "hello " + name;
    }
    return out;
}
