"""Modal formulas: AST, parser/printer, syntactic operations and translations."""
