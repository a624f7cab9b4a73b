float logRatio(float num, float den) {
    return Math.log(num) - Math.log(den);
}
