"""Exact computations with ADR algebras of bound quiver algebras.

The main entry points are :func:`adrkit.quiver.algebra_from_text`,
:func:`adrkit.adr.build_context` and the ``adr`` command line tool.
"""
__version__ = "0.1.0"
