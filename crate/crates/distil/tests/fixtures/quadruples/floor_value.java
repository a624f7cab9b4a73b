float roundDown(float value, float step) {
    float units = Math.floor(value / step);
    return units * step;
}
