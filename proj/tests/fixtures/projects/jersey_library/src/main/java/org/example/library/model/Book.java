package org.example.library.model;

public class Book {
    public String isbn;
    public String title;
    public String author;
}
