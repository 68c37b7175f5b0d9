"""Pointed patches and finite brackets on distances between pointed tilings."""
