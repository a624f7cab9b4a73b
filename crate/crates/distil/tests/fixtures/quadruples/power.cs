float CubeOf(float side) {
    return Math.Pow(side, 3);
}
