n = int(input())
p = n > 1
i = 2
while i * i <= n:
    if n % i == 0:
        p = False
        break
    i += 1
print("YES" if p else "NO")
