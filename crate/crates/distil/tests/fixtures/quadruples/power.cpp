float cubeOf(float side) {
    return pow(side, 3);
}
