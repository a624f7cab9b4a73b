float cubeOf(float side) {
    return Math.pow(side, 3);
}
