# Goto.Omega reduces to Omega, yet the two are not observationally equivalent.
Goto.x -> x
Omega.x -> x.x
