"""Flames in finite rooted multidigraphs."""
