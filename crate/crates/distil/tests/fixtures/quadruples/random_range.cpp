int rollDie(int low, int high) {
    int roll = rand() % (high - low) + low;
    return roll;
}
