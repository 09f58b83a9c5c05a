"""Bundled data files: default stopword list and gazetteer."""
