void CountDown(int start) {
    for (int i = start; i > 0; i--) {
        Console.WriteLine(i);
    }
    Console.WriteLine("done");
}
