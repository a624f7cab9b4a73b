float hypotenuse(float a, float b) {
    float sum = a * a + b * b;
    return sqrt(sum);
}
