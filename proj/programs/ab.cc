# A reaches both B and C, but only C is final.
A -> B
B -> C
