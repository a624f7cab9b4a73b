float logRatio(float num, float den) {
    return log(num) - log(den);
}
