"""q-Schur algebras, quantum Frobenius and generalized q-Schur quotients."""
