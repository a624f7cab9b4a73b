int RollDie(int low, int high) {
    int roll = rand.Next(low, high);
    return roll;
}
