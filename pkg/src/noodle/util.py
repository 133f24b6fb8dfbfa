"""Small shared helpers: deterministic seed derivation."""

import hashlib


def split_seed(*parts) -> int:
    """Derive a child seed from a base seed and a label path.

    Hash-based so that child streams are independent of how many siblings
    exist (restart 3 gets the same stream whether 5 or 50 restarts run).
    """
    text = "\x1f".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")
