"""triplekit: Cartan factors, tripotents and triple-isomorphism reconstruction."""
