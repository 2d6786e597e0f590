"""A universal Osborn loop where xx.xx = (xx.x)x holds but xx.xx = (x.xx)x does not.

The loop is the nonassociative CC-loop of order 6 (every CC-loop is universal
Osborn).  The script checks universality two ways and prints both
fourth-power identities element by element.
"""

from loopkit import predicate, read_loop_file
from loopkit.cli import shipped_corpus

L = read_loop_file(shipped_corpus() / "cc.loop")["CC6-1"]
print(L)
print()
for name in ("cc", "universal-osborn:both", "3-PAPL", "power-associative"):
    print(f"{name:24} {predicate(L, name).holds}")

m = L.mul
print("\n x  xx.xx  (x.xx)x  (xx.x)x")
for x in L.elements():
    xx = m(x, x)
    print(f"{x:2}  {m(xx, xx):5}  {m(m(x, xx), x):7}  {m(m(xx, x), x):7}")

a = predicate(L, "4_{11.11=(1.11)1}^{1}")
b = predicate(L, "4_{11.11=(11.1)1}^{1}")
print("\nxx.xx = (x.xx)x:", a.holds, a.witness)
print("xx.xx = (xx.x)x:", b.holds)
