#include <iostream>
int main() {
    long a, b;
    std::cin >> a >> b;
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    std::cout << a << "\n";
}
