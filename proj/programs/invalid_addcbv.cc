# First attempt at addition: B's right-hand side refers to y and r,
# which are not parameters of B.
AddCBV.x.y.r -> x.(r.y).B
B.u -> AddCBV.u.(S.y).r
