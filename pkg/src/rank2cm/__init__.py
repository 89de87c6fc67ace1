"""Rank-2 Cohen-Macaulay modules over the boundary algebra B_{5,10}."""
