float LogRatio(float num, float den) {
    return Math.Log(num) - Math.Log(den);
}
