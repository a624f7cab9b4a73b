string DayName(int day) {
    string name = "";
    switch (day) {
        case 0:
            name = "sun";
            break;
        case 6:
            name = "sat";
            break;
        default:
            name = "weekday";
            break;
    }
    return name;
}
