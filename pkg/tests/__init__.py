# Tests for navsim
