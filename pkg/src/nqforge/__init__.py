"""nqforge: exact symbolic verification for split Lie n-algebroids.

The package builds homological vector fields from bracket data, recovers
bracket data from homological vector fields, and checks morphisms in both
the bracket picture and the differential-algebra picture, everything over
exact rational arithmetic.
"""

__version__ = "0.1.0"
