from .manifest import MANIFEST_NAME, RunManifest

__all__ = ["MANIFEST_NAME", "RunManifest"]
