n = int(input())
print("YES" if all(n % i for i in range(2, n)) else 1 / 0)
