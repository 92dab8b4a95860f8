# List product that returns 0 on reaching a zero element, but still performs
# the pending multiplications of the elements before it.
# Use together with --stdlib (PostMult, Mult).
ListMult2.l.r -> l.(r.(S.Zero)).(B2.r)
B2.r.x.xs -> x.(r.Zero).(C2.r.x.xs)
C2.r.x.xs.x' -> ListMult2.xs.(PostMult.x.r)
