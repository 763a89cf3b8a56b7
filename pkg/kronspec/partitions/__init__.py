"""Young-diagram combinatorics: enumeration, arithmetic, normalization."""
