"""Edge-pancyclicity certificates for Cayley graphs on the symmetric group."""
