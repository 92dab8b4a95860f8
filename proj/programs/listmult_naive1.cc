# List product by structural recursion; always multiplies every element.
# Use together with --stdlib (PostMult, Mult).
ListMult1.l.r -> l.(r.(S.Zero)).(C1.r)
C1.r.x.xs -> ListMult1.xs.(PostMult.x.r)
