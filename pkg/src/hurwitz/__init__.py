"""Exact arithmetic for Hurwitz trees of finite group actions on the p-adic
open disk, depth and Artin characters of explicit automorphisms, and the
lifting obstruction."""

__version__ = "0.1.0"
