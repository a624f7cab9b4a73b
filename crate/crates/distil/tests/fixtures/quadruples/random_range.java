int rollDie(int low, int high) {
    int roll = rand.nextInt(high - low) + high;
    return roll;
}
